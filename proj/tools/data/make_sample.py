#!/usr/bin/env python3
"""Regenerates the bundled sample corpus, annotations and mock response fixtures.

    python3 tools/data/make_sample.py data/sample

Scenario texts and the canonical component phrases live below. Each phrase is
located in the text (first whole-word match unless an occurrence index is
given) to produce span offsets in code points. Three annotators are derived:
"ann-a" labels the canonical phrases, "ann-b" and "ann-c" each leave out or
shorten a few, so a majority vote recovers the canonical set.

Ground truth is not written here; run `uccx adjudicate` on the output.
"""

import json
import re
import sys
from pathlib import Path

KEYS = ["name", "goal", "user", "system", "external_entities", "data_practices", "steps"]

SCENARIOS = [
    {
        "id": "food-instacart",
        "app_name": "Instacart",
        "store_url": "https://play.google.com/store/apps/details?id=com.instacart.client",
        "platform": "google",
        "category": "Food & Drink",
        "screen_title": "Account menu",
        "info_types": ["address", "payment information", "purchase history"],
        "text": (
            "I use the Instacart app almost every week to get groceries delivered to my apartment. "
            "The screen I want to describe is the account menu, where I can view past grocery orders "
            "I've made and view/change my account settings. To get there, I open the app on my phone "
            "and clicked on the icon in the top left corner. A screen comes up with a list of options. "
            "If I click Your Orders, I can look at past orders and view my receipts for each delivery. "
            "From an old order I can re-add all the items from previous orders to my cart, which saves "
            "me a lot of time when I shop for the same things. The same menu lets me view my account "
            "settings, where I can update my phone number and reset passwords if I forget them. I can "
            "also view my instacart+ subscription and cancel it if I no longer want to pay the monthly "
            "fee. There is a section where I can see what promos are available to me and check how much "
            "I've saved on promos and discounts on my past order. Finally, I can click Your Lists to make "
            "or alter my personal grocery lists. The app uses my address, my payment card and my order "
            "history to make all of this work."
        ),
        "name": [],
        "goal": ["view past grocery orders I've made", "view/change my account settings", "look at past orders"],
        "user": ["I"],
        "system": ["Instacart app", "the app"],
        "external_entities": [],
        "data_practices": [
            "re-add all the items from previous orders to my cart",
            "view my receipts",
            "reset passwords",
            "make or alter my personal grocery lists",
            "how much I've saved on promos and discounts on my past order",
        ],
        "steps": [
            "clicked on the icon in the top left corner",
            "screen comes up",
            "click Your Orders",
            "view my account settings",
            "view my instacart+ subscription",
            "cancel it",
            "see what promos are available to me",
            "click Your Lists",
        ],
    },
    {
        "id": "edu-duolingo",
        "app_name": "Duolingo",
        "store_url": "https://apps.apple.com/app/duolingo/id570060128",
        "platform": "apple",
        "category": "Education",
        "screen_title": "Learning path",
        "info_types": ["account credentials", "voice recordings", "learning progress"],
        "text": (
            "I have been learning Spanish with the Duolingo app for about a year, and the screen I use "
            "the most is the home screen with the learning path. My goal is to continue my daily Spanish "
            "lesson without losing my streak. When I open the app, it shows my current streak and the "
            "number of gems I have. I tap the flag at the top to switch between languages, and then I "
            "select a course to continue. The app remembers my progress, so it takes me straight to the "
            "next unit on the path. Before the lesson starts, I can sign in with my Google account so "
            "that my progress is saved across devices. During the lesson I answer listening and speaking "
            "exercises, and the app records my voice to check my pronunciation. At the end of a lesson, "
            "I see how many points I earned and my position on the weekly leaderboard. The app also "
            "sends me a reminder notification every evening if I have not practiced yet. I can look at "
            "my profile to see my friends, and the app shares my streak with the friends who follow me. "
            "I usually finish one or two lessons a day on my commute."
        ),
        "name": [],
        "goal": ["continue my daily Spanish lesson without losing my streak"],
        "user": ["I"],
        "system": ["Duolingo app", "the app"],
        "external_entities": ["Google account", "friends who follow me"],
        "data_practices": [
            "remembers my progress",
            "sign in with my Google account",
            "records my voice to check my pronunciation",
            "shares my streak with the friends who follow me",
        ],
        "steps": [
            "open the app",
            "tap the flag at the top to switch between languages",
            "select a course to continue",
            "answer listening and speaking exercises",
            "see how many points I earned",
        ],
    },
    {
        "id": "finance-venmo",
        "app_name": "Venmo",
        "store_url": "https://apps.apple.com/app/venmo/id351727428",
        "platform": "apple",
        "category": "Finance",
        "screen_title": "Pay or request",
        "info_types": ["contacts", "bank account", "biometric data"],
        "text": (
            "I use Venmo to split bills with my roommates, and the screen I want to describe is the pay "
            "or request screen. My goal is to pay my roommate back for the electricity bill. First I open "
            "the Venmo app and log in with Face ID. On the home screen I tap the Pay or Request button at "
            "the bottom. I search for my roommate by typing her name, and the app suggests contacts from "
            "my phone book because I allowed it to sync my contacts. I pick her profile, enter the amount, "
            "and write a short note with an emoji so she knows what the payment is for. The app charges "
            "my linked bank account when my Venmo balance is too low. Before I confirm, I choose whether "
            "the payment is private or visible to my friends, because Venmo shares transactions on a "
            "social feed by default. Then I tap Pay and the app asks me to confirm. My roommate gets a "
            "notification and the money shows up in her balance right away. Later I can open the "
            "transactions tab to check that the payment went through and see my monthly statement."
        ),
        "name": [],
        "goal": ["pay my roommate back for the electricity bill"],
        "user": ["I"],
        "system": ["Venmo app", "the app"],
        "external_entities": ["linked bank account", "My roommate"],
        "data_practices": [
            "log in with Face ID",
            "sync my contacts",
            "charges my linked bank account",
            "shares transactions on a social feed",
        ],
        "steps": [
            "open the Venmo app",
            "tap the Pay or Request button at the bottom",
            "search for my roommate by typing her name",
            "pick her profile, enter the amount",
            "write a short note",
            "tap Pay",
            "open the transactions tab to check that the payment went through",
        ],
    },
    {
        "id": "health-myfitnesspal",
        "app_name": "MyFitnessPal",
        "store_url": "https://apps.apple.com/app/myfitnesspal/id341232718",
        "platform": "apple",
        "category": "Health & Fitness",
        "screen_title": "Diary",
        "info_types": ["health data", "body measurements", "fitness activity"],
        "text": (
            "I track my meals with MyFitnessPal because I am trying to lose some weight before the "
            "summer. The screen I describe here is the diary screen where I log what I eat. My goal is to "
            "log my breakfast and see how many calories I have left for the day. When I first set up the "
            "account, the app collects my height, weight, age and activity level to calculate a daily "
            "calorie goal. Every morning I open the app and tap the plus button at the bottom of the "
            "screen. I choose Breakfast and then scan the barcode of my cereal box with the camera. The "
            "app looks up the food in its database and shows the calories and nutrients per serving. I "
            "adjust the number of servings and tap the check mark to add it to my diary. The diary then "
            "shows my remaining calories at the top. I also connected my Fitbit watch, so the app imports "
            "my steps and adds the calories I burned from exercise. Sometimes I share my progress with my "
            "sister, who uses the app too, so we can keep each other motivated."
        ),
        "name": [],
        "goal": ["log my breakfast and see how many calories I have left for the day"],
        "user": ["I"],
        "system": ["MyFitnessPal", "the app"],
        "external_entities": ["Fitbit watch", "my sister"],
        "data_practices": [
            "collects my height, weight, age and activity level",
            "scan the barcode of my cereal box with the camera",
            "imports my steps",
            "share my progress with my sister",
        ],
        "steps": [
            "open the app and tap the plus button at the bottom of the screen",
            "choose Breakfast",
            "adjust the number of servings",
            "tap the check mark to add it to my diary",
        ],
    },
    {
        "id": "reference-merriam-webster",
        "app_name": "Merriam-Webster Dictionary",
        "store_url": "https://apps.apple.com/app/merriam-webster-dictionary/id399452287",
        "platform": "apple",
        "category": "Reference",
        "screen_title": "Word detail",
        "info_types": ["voice input", "device identifier", "account information"],
        "text": (
            "When I read articles in English, I often run into words I do not know, so I keep the "
            "Merriam-Webster Dictionary app on my iPhone. The screen I want to describe is the word "
            "detail screen. My goal is to look up the meaning of an unfamiliar word and save it so I can "
            "review it later. I open the dictionary and type the word into the search bar at the top, or "
            "I tap the microphone icon and say the word out loud, which means the app uses my voice "
            "input. The app shows a list of suggestions and I tap the right one. The detail screen shows "
            "the definition, the pronunciation, example sentences and the word's origin. I tap the "
            "speaker button to hear how it is pronounced. If I want to keep the word, I tap the star to "
            "add it to my favorites, and the app syncs my favorites to my Merriam-Webster account. The "
            "free version shows advertisements from an ad network, which probably uses my device "
            "identifier. I also like the word of the day that appears on the home screen."
        ),
        "name": [],
        "goal": ["look up the meaning of an unfamiliar word and save it"],
        "user": ["I"],
        "system": ["Merriam-Webster Dictionary app", "the app"],
        "external_entities": ["ad network"],
        "data_practices": [
            "uses my voice input",
            "syncs my favorites to my Merriam-Webster account",
            "uses my device identifier",
        ],
        "steps": [
            "type the word into the search bar at the top",
            "tap the microphone icon and say the word out loud",
            "tap the right one",
            "tap the speaker button",
            "tap the star to add it to my favorites",
        ],
    },
    {
        "id": "shopping-amazon",
        "app_name": "Amazon Shopping",
        "store_url": "https://play.google.com/store/apps/details?id=com.amazon.mShop.android.shopping",
        "platform": "google",
        "category": "Shopping",
        "screen_title": "Track package",
        "info_types": ["shipping address", "payment information", "location"],
        "text": (
            "I buy most household items on the Amazon Shopping app, and the screen I describe is the "
            "order tracking screen. My goal is to track a package that was supposed to arrive yesterday "
            "and ask for a refund if it is lost. I open the app and tap the person icon at the bottom, "
            "then tap Your Orders. The app lists my recent orders with their delivery status. I select "
            "the late order and tap Track package, which shows a map with the current location of the "
            "delivery driver. The tracking page says the carrier, UPS, has the package at a local "
            "facility. Because it is late, I tap Problem with order and choose that the package did not "
            "arrive. The app asks me to confirm my shipping address and shows my saved payment method "
            "for the refund. I choose a refund to my original payment method, and the app sends the "
            "request to customer service. I receive an email confirmation a few minutes later. Amazon "
            "also uses my order history to recommend similar products on the home page, which I "
            "usually ignore."
        ),
        "name": ["Track package"],
        "goal": ["track a package that was supposed to arrive yesterday", "ask for a refund if it is lost"],
        "user": ["I"],
        "system": ["Amazon Shopping app", "the app"],
        "external_entities": ["delivery driver", "UPS", "customer service"],
        "data_practices": [
            "shows a map with the current location of the delivery driver",
            "confirm my shipping address",
            "shows my saved payment method for the refund",
            "uses my order history to recommend similar products",
        ],
        "steps": [
            "tap the person icon at the bottom",
            "tap Your Orders",
            "select the late order and tap Track package",
            "tap Problem with order",
            "choose a refund to my original payment method",
        ],
    },
    {
        "id": "social-instagram",
        "app_name": "Instagram",
        "store_url": "https://play.google.com/store/apps/details?id=com.instagram.android",
        "platform": "google",
        "category": "Social Networking",
        "screen_title": "New post",
        "info_types": ["photos", "location", "social connections"],
        "text": (
            "I use Instagram to share photos with my friends and family. The screen I describe is the "
            "new post screen. My goal is to post a photo from my vacation with a caption and tag the "
            "friends who were with me. I open Instagram and tap the plus icon at the bottom of the feed. "
            "The app asks for permission to access my photo gallery, and once I allow it, it shows my "
            "recent pictures. I select a photo from the beach and tap Next. I apply a filter and adjust "
            "the brightness, then tap Next again. On the last screen I write a caption and tap Tag people "
            "to tag my two friends. I also tap Add location, and the app uses my GPS location to suggest "
            "the name of the beach. Before sharing, I can choose to also post the photo to my Facebook "
            "account, since the two apps are linked. Finally, I tap Share and the post appears on my "
            "profile and in the feeds of my followers. Later I check the notifications tab to see who "
            "liked and commented on my photo."
        ),
        "name": [],
        "goal": ["post a photo from my vacation with a caption and tag the friends who were with me"],
        "user": ["I"],
        "system": ["Instagram", "The app"],
        "external_entities": ["my two friends", "Facebook account", "my followers"],
        "data_practices": [
            "access my photo gallery",
            "uses my GPS location to suggest the name of the beach",
            "post the photo to my Facebook account",
            "appears on my profile and in the feeds of my followers",
        ],
        "steps": [
            "tap the plus icon at the bottom of the feed",
            "select a photo from the beach and tap Next",
            "apply a filter and adjust the brightness",
            "write a caption",
            "tap Tag people",
            "tap Add location",
            "tap Share",
        ],
    },
    {
        "id": "sports-espn",
        "app_name": "ESPN",
        "store_url": "https://apps.apple.com/app/espn/id317469184",
        "platform": "apple",
        "category": "Sports",
        "screen_title": "Game center",
        "info_types": ["account information", "location", "subscription details"],
        "text": (
            "I am a big basketball fan and I use the ESPN app to follow my favorite team during the "
            "season. The screen I want to describe is the game center screen for a live game. My goal is "
            "to follow the score of tonight's game and get alerts when my team plays. I open the ESPN app "
            "and it shows the top headlines. I tap the Scores tab at the bottom and pick the NBA from the "
            "list of leagues. I find my team's game and tap it to open the game center, which shows the "
            "live score, box score and play-by-play. To avoid missing the next game, I tap the bell icon "
            "and turn on game alerts, so the app sends me push notifications for start times and final "
            "scores. I signed in with my ESPN account, and the app stores my favorite teams so the home "
            "screen is personalized. When I want to watch the game, the app asks me to sign in with my "
            "TV provider, which checks that my cable subscription includes the channel. I also let the "
            "app use my location to show local games and radio stations."
        ),
        "name": [],
        "goal": ["follow the score of tonight's game", "get alerts when my team plays"],
        "user": ["I"],
        "system": ["ESPN app", "the app"],
        "external_entities": ["TV provider"],
        "data_practices": [
            "stores my favorite teams",
            "sign in with my TV provider",
            "checks that my cable subscription includes the channel",
            "use my location to show local games",
        ],
        "steps": [
            "tap the Scores tab at the bottom",
            "pick the NBA from the list of leagues",
            "tap it to open the game center",
            "tap the bell icon and turn on game alerts",
        ],
    },
    {
        "id": "travel-uber",
        "app_name": "Uber",
        "store_url": "https://play.google.com/store/apps/details?id=com.ubercab",
        "platform": "google",
        "category": "Travel",
        "screen_title": "Ride request",
        "info_types": ["location", "payment information", "contact information"],
        "text": (
            "I use the Uber app when I travel for work and need a ride from the airport to my hotel. The "
            "screen I describe is the ride request screen and the safety toolkit. My goal is to request a "
            "ride to my hotel and share my trip with my partner so she knows I arrived safely. When I "
            "land, I open the app, and it uses my current location to set the pickup point. I type the "
            "hotel name into the Where to box and choose UberX from the list of ride options. The app "
            "shows the fare and charges my saved credit card. After a driver accepts the request, I can "
            "see his name, photo, car model and license plate. During the ride I tap on the safety "
            "section at the bottom of the home screen and select Share my trip, which sends my live "
            "location to my partner through a text message. The app also records the route of the trip. "
            "When I reach the hotel, I rate the driver and add a tip, and the receipt is sent to my work "
            "email so I can file an expense report."
        ),
        "name": [],
        "goal": ["request a ride to my hotel", "share my trip with my partner"],
        "user": ["I"],
        "system": ["Uber app", "the app"],
        "external_entities": ["driver", "my partner", "work email"],
        "data_practices": [
            "uses my current location to set the pickup point",
            "charges my saved credit card",
            "sends my live location to my partner",
            "records the route of the trip",
            "receipt is sent to my work email",
        ],
        "steps": [
            "type the hotel name into the Where to box",
            "choose UberX from the list of ride options",
            "tap on the safety section at the bottom of the home screen",
            "select Share my trip",
            "rate the driver and add a tip",
        ],
    },
    {
        "id": "books-kindle",
        "app_name": "Amazon Kindle",
        "store_url": "https://play.google.com/store/apps/details?id=com.amazon.kindle",
        "platform": "google",
        "category": "Books & Reference",
        "screen_title": "Library",
        "info_types": ["account information", "reading activity", "notes and highlights"],
        "text": (
            "I read e-books on my Android tablet with the Kindle app. The screen I want to describe is "
            "the library screen and the reader. My goal is to download a book I bought and continue "
            "reading from the page where I stopped on my other device. I open the Kindle app and sign in "
            "with my Amazon account, which gives the app access to all the books I purchased. In the "
            "library tab I filter by Downloaded and All, then tap the cover of the book to download it. "
            "The app syncs my last page read across devices, so it asks whether I want to jump to the "
            "furthest page. I tap Yes and continue reading. While reading, I highlight a sentence and "
            "add a note, and the app backs up my highlights and notes to the cloud. I can change the "
            "font size and switch to dark mode from the Aa menu. If I find a word I do not know, I "
            "long-press it to see the dictionary definition. When I finish, the app asks me to rate the "
            "book, and my rating is posted to Goodreads because my accounts are connected."
        ),
        "name": [],
        "goal": ["download a book I bought and continue reading from the page where I stopped"],
        "user": ["I"],
        "system": ["Kindle app", "the app"],
        "external_entities": ["Amazon account", "Goodreads"],
        "data_practices": [
            "sign in with my Amazon account",
            "syncs my last page read across devices",
            "backs up my highlights and notes to the cloud",
            "my rating is posted to Goodreads",
        ],
        "steps": [
            "filter by Downloaded and All",
            "tap the cover of the book to download it",
            "tap Yes and continue reading",
            "highlight a sentence and add a note",
            "change the font size and switch to dark mode",
            "long-press it to see the dictionary definition",
        ],
    },
    {
        "id": "casual-candy-crush",
        "app_name": "Candy Crush Saga",
        "store_url": "https://play.google.com/store/apps/details?id=com.king.candycrushsaga",
        "platform": "google",
        "category": "Casual",
        "screen_title": "Saga map",
        "info_types": ["game progress", "social connections", "purchase information"],
        "text": (
            "I play Candy Crush Saga on my phone when I have a few minutes to relax. The screen I "
            "describe is the level map where I choose the next level. My goal is to play the next level "
            "without spending money when I run out of lives. I open the game and it loads my saga map, "
            "which is saved to my King account so I do not lose my progress. At the top of the map I "
            "check how many lives are left and the time until the next life refills. If I have no lives, "
            "I can ask my Facebook friends for extra lives, which means the game sends a request to my "
            "friends list. I wait for a friend to send a life and then tap the next level on the map. "
            "Before the level starts, I choose a booster, and the game shows an offer to buy gold bars "
            "with my Google Play account. I close the offer and play the level by matching candies. When "
            "I win, my score is compared to my friends on the leaderboard next to the level."
        ),
        "name": [],
        "goal": ["play the next level without spending money"],
        "user": ["I"],
        "system": ["Candy Crush Saga", "the game"],
        "external_entities": ["King account", "Facebook friends", "Google Play account"],
        "data_practices": [
            "saved to my King account",
            "sends a request to my friends list",
            "buy gold bars with my Google Play account",
            "my score is compared to my friends on the leaderboard",
        ],
        "steps": [
            "check how many lives are left",
            "ask my Facebook friends for extra lives",
            "tap the next level on the map",
            "choose a booster",
            "close the offer",
            "play the level by matching candies",
        ],
    },
    {
        "id": "entertainment-netflix",
        "app_name": "Netflix",
        "store_url": "https://play.google.com/store/apps/details?id=com.netflix.mediaclient",
        "platform": "google",
        "category": "Entertainment",
        "screen_title": "Downloads",
        "info_types": ["viewing history", "payment information", "device information"],
        "text": (
            "My family shares one Netflix subscription, and I use the Netflix app on my Android phone to "
            "watch shows on the train. The screen I describe is the download screen. My goal is to "
            "download episodes of a series so I can watch them offline during my commute. I open the app "
            "and choose my profile from the list of family profiles. I search for the series and open its "
            "page, then tap the download icon next to each episode I want. The app checks how many "
            "devices on our account have downloads, because our plan allows only a limited number. While "
            "the episodes download, the app shows the progress in the Downloads tab at the bottom. The "
            "next morning, I open the Downloads tab and tap an episode to play it offline. The app "
            "remembers where I stopped watching and reports my viewing history to Netflix when I am back "
            "online, which is used to recommend other shows. I can also delete watched episodes to free "
            "up storage. The subscription is billed to my father's credit card."
        ),
        "name": [],
        "goal": ["download episodes of a series so I can watch them offline"],
        "user": ["I"],
        "system": ["Netflix app", "the app"],
        "external_entities": ["family profiles", "my father"],
        "data_practices": [
            "checks how many devices on our account have downloads",
            "reports my viewing history to Netflix",
            "billed to my father's credit card",
        ],
        "steps": [
            "choose my profile from the list of family profiles",
            "search for the series and open its page",
            "tap the download icon next to each episode I want",
            "open the Downloads tab and tap an episode to play it offline",
            "delete watched episodes to free up storage",
        ],
    },
    {
        "id": "lifestyle-zillow",
        "app_name": "Zillow",
        "store_url": "https://play.google.com/store/apps/details?id=com.zillow.android.zillowmap",
        "platform": "google",
        "category": "Lifestyle",
        "screen_title": "Listing detail",
        "info_types": ["location", "contact information", "financial information"],
        "text": (
            "My partner and I are looking for a house to rent, so I use the Zillow app to browse "
            "listings. The screen I want to describe is the listing detail screen with the contact form. "
            "My goal is to find a two-bedroom rental near my office and contact the landlord to schedule "
            "a tour. I open the app and allow it to use my location, so the map starts in my "
            "neighborhood. I type the area into the search bar and set filters for rent, bedrooms and "
            "pets. The app saves my search and sends me an email when new listings match it. I scroll "
            "through the results on the map and tap a listing to see photos, the monthly rent and the "
            "floor plan. I tap the heart to save the home to my favorites. To ask for a tour, I tap "
            "Request a tour and fill in my name, phone number and a short message, and the app forwards "
            "this information to the landlord. Sometimes the app also offers to check my credit score "
            "with a partner service, but I skip that step."
        ),
        "name": [],
        "goal": ["find a two-bedroom rental near my office", "contact the landlord to schedule a tour"],
        "user": ["I"],
        "system": ["Zillow app", "the app"],
        "external_entities": ["landlord", "partner service"],
        "data_practices": [
            "use my location",
            "saves my search and sends me an email",
            "fill in my name, phone number and a short message",
            "forwards this information to the landlord",
            "check my credit score with a partner service",
        ],
        "steps": [
            "type the area into the search bar",
            "set filters for rent, bedrooms and pets",
            "scroll through the results on the map",
            "tap a listing",
            "tap the heart to save the home to my favorites",
            "tap Request a tour",
        ],
    },
    {
        "id": "maps-google-maps",
        "app_name": "Google Maps",
        "store_url": "https://play.google.com/store/apps/details?id=com.google.android.apps.maps",
        "platform": "google",
        "category": "Maps & Navigation",
        "screen_title": "Navigation",
        "info_types": ["location", "contacts", "travel history"],
        "text": (
            "I drive to visit my parents every other weekend and I use Google Maps for directions. The "
            "screen I describe is the navigation screen. My goal is to get driving directions to my "
            "parents' house and avoid traffic. I open Google Maps and tap the search bar at the top. I "
            "select Home of my parents from my saved places, which the app keeps in my Google account. "
            "The app uses my current location as the starting point and shows three routes with the "
            "travel time for each. I choose the fastest route and tap Start. During the drive, the app "
            "collects my location and speed to give turn-by-turn voice directions and shares anonymous "
            "traffic data with Google. Halfway there, I tap the share button and send my estimated "
            "arrival time to my mother. If there is an accident ahead, the app suggests a faster route, "
            "and I tap Accept to switch. When I arrive, I stop the navigation. Later I can see the trip "
            "in my Timeline, because location history is turned on."
        ),
        "name": [],
        "goal": ["get driving directions to my parents' house", "avoid traffic"],
        "user": ["I"],
        "system": ["Google Maps", "the app"],
        "external_entities": ["Google account", "my mother"],
        "data_practices": [
            "keeps in my Google account",
            "uses my current location as the starting point",
            "collects my location and speed",
            "shares anonymous traffic data with Google",
            "send my estimated arrival time to my mother",
            "location history is turned on",
        ],
        "steps": [
            "tap the search bar at the top",
            "select Home of my parents from my saved places",
            "choose the fastest route and tap Start",
            "tap the share button",
            "tap Accept to switch",
            "stop the navigation",
        ],
    },
    {
        "id": "music-spotify",
        "app_name": "Spotify",
        "store_url": "https://play.google.com/store/apps/details?id=com.spotify.music",
        "platform": "google",
        "category": "Music & Audio",
        "screen_title": "Settings",
        "info_types": ["listening history", "payment information", "device information"],
        "text": (
            "I listen to music with Spotify on my phone every day, mostly while running. The screen I "
            "want to describe is the settings screen for playback and audio quality. My goal is to save "
            "mobile data by lowering the streaming quality and downloading my running playlist. I open "
            "the app and tap the gear icon in the top right corner of the home screen. In the Audio "
            "Quality section I change sound quality for audio tracks from Very high to Normal when I use "
            "cellular data. Then I go back to Your Library and open my running playlist. I turn on the "
            "Download toggle so the songs are stored on my phone for offline listening. Spotify uses my "
            "listening history to build the Discover Weekly playlist and shares what I play with my "
            "friends through the Friend Activity feature, which I turned off in the Social section. I "
            "also connect my running watch with Spotify Connect, so the app sends the playlist to the "
            "watch. My premium subscription is paid with PayPal every month."
        ),
        "name": [],
        "goal": ["save mobile data by lowering the streaming quality", "downloading my running playlist"],
        "user": ["I"],
        "system": ["Spotify", "the app"],
        "external_entities": ["my friends", "running watch", "PayPal"],
        "data_practices": [
            "uses my listening history to build the Discover Weekly playlist",
            "shares what I play with my friends",
            "sends the playlist to the watch",
            "paid with PayPal",
        ],
        "steps": [
            "tap the gear icon in the top right corner of the home screen",
            "change sound quality for audio tracks from Very high to Normal",
            "open my running playlist",
            "turn on the Download toggle",
            "turned off in the Social section",
            "connect my running watch with Spotify Connect",
        ],
    },
    {
        "id": "tools-files-by-google",
        "app_name": "Files by Google",
        "store_url": "https://play.google.com/store/apps/details?id=com.google.android.apps.nbu.files",
        "platform": "google",
        "category": "Tools",
        "screen_title": "Clean",
        "info_types": ["files and documents", "photos", "device storage"],
        "text": (
            "My phone was running out of storage, so I started using the Files by Google app to clean it "
            "up. The screen I describe is the Clean tab with its suggestions. My goal is to free up "
            "storage space by deleting junk files and backing up my photos. When I open the app for the "
            "first time, it asks for permission to access all files on the device, and I allow it. The "
            "Clean tab shows cards with suggestions, such as junk files, duplicate files and large "
            "videos. I tap Clean on the junk files card and confirm, and the app deletes temporary files "
            "from other apps. Then I open the duplicate files card, review the list, and select the "
            "copies I want to remove. For my photos, the app offers to back them up to Google Photos "
            "before deleting them from the phone, which uploads my pictures to my Google account. I can "
            "also use Nearby Share to send a large video to my brother's phone without mobile data. At "
            "the end, the app shows how much space I freed."
        ),
        "name": ["Clean tab"],
        "goal": ["free up storage space by deleting junk files and backing up my photos"],
        "user": ["I"],
        "system": ["Files by Google app", "the app"],
        "external_entities": ["Google Photos", "my brother"],
        "data_practices": [
            "access all files on the device",
            "deletes temporary files from other apps",
            "uploads my pictures to my Google account",
            "send a large video to my brother's phone",
        ],
        "steps": [
            "tap Clean on the junk files card and confirm",
            "open the duplicate files card, review the list",
            "select the copies I want to remove",
            "back them up to Google Photos",
            "use Nearby Share",
        ],
    },
]


def locate(text, phrase, taken):
    """First whole-word occurrence of phrase whose range is not already used
    by the same component."""
    pattern = r"(?<![\w])" + re.escape(phrase) + r"(?![\w])"
    for m in re.finditer(pattern, text):
        if all(m.end() <= s or e <= m.start() for s, e in taken):
            return m.start(), m.end()
    raise SystemExit(f"phrase not found: {phrase!r}")


def canonical_spans(s):
    spans = []
    for key in KEYS:
        taken = []
        for phrase in s[key]:
            start, end = locate(s["text"], phrase, taken)
            taken.append((start, end))
            spans.append({"start": start, "end": end, "component": key, "text": phrase})
    spans.sort(key=lambda x: (x["start"], x["end"]))
    return spans


def shorten(span, text):
    """Drop the last word of a multi-word span."""
    cut = span["text"].rstrip().rfind(" ")
    if cut <= 0:
        return span
    end = span["start"] + cut
    return {**span, "end": end, "text": text[span["start"]:end]}


def variants(s, spans):
    """ann-b forgets the last step and external entity and shortens the first
    goal; ann-c forgets the first data practice and the name."""
    by = {k: [x for x in spans if x["component"] == k] for k in KEYS}
    b, c = [], []
    for x in spans:
        k = x["component"]
        if k == "steps" and x is by["steps"][-1]:
            pass
        elif k == "external_entities" and by[k] and x is by[k][-1]:
            pass
        elif k == "goal" and x is by["goal"][0]:
            b.append(shorten(x, s["text"]))
        else:
            b.append(x)
        if k == "data_practices" and x is by[k][0]:
            continue
        if k == "name":
            continue
        c.append(x)
    return b, c


def response(s, style):
    """Model-like response text for a preset style."""
    app = s["app_name"]
    lines = []
    goal = s["goal"][0]
    words = goal.split()
    title = " ".join(w.capitalize() for w in words[:4])
    ets = s["external_entities"]
    sentinels = ["None", "Not Mentioned", "None Mentioned", "N/A"]
    pick = sum(map(ord, s["id"])) % len(sentinels)

    if style == "seed":
        lines.append(f"UC-Name: {title}")
        lines.append(f"UC-Goal: To allow the user to {goal}")
        lines.append("UC-User: User")
        lines.append(f"UC-System: {app} App")
        lines.append("UC-ET: " + (", ".join(ets) if ets else sentinels[pick]))
        if pick % 2 == 0:
            lines.append("UC-DPs: ")
            lines += ["- Collection", "- Usage", "- Sharing"]
        else:
            lines.append("UC-DPs:")
            lines += [f"- {d}" for d in s["data_practices"]]
        lines.append("UC-Steps:")
        lines += [f"{i}. {st[0].upper()}{st[1:]}" for i, st in enumerate(s["steps"], 1)]
    elif style == "refined":
        lines.append(f"UC-Name: {title}")
        lines.append(f"UC-Goal: The user wants to {goal}")
        lines.append("UC-User: User")
        lines.append(f"UC-System: {app} app")
        lines.append("UC-ET: " + (", ".join(ets) if ets else sentinels[pick]))
        lines.append("UC-DPs:")
        if pick == 1:
            for d in s["data_practices"][:2]:
                lines += [f"- Data sharing: {app}", f"  Data action: {d.split()[0]}",
                          f"  Data element: {' '.join(d.split()[1:])}", "  Data purpose: to provide the service"]
        else:
            lines += [f"- app {d}" for d in s["data_practices"]]
        lines.append("UC-Steps:")
        lines += [f"- user {st}" for st in s["steps"]]
    else:
        lines.append(f"UC-Name: {title}")
        lines.append(f"UC-Goal: {goal}")
        lines.append("UC-User: user")
        lines.append(f"UC-System: {app} app")
        lines.append("UC-ET: " + (", ".join(ets) if ets else sentinels[pick]))
        lines.append("UC-DPs:")
        lines += [f"- user {d}" if d.split()[0] in ("sign", "log", "scan", "share", "fill", "send", "use")
                  else f"- app {d}" for d in s["data_practices"]]
        lines.append("UC-Steps:")
        lines += [f"- user {st}" for st in s["steps"]]
        if pick == 3:
            lines += ["", "Note: the scenario does not say which data the app shares with advertisers."]
    return "\n".join(lines) + "\n"


TABLE_VI = (
    "UC-Name: View Past Orders and Account Settings\n"
    "UC-Goal: To allow the user to view past orders and modify account settings\n"
    "UC-User: User\n"
    "UC-System: Instacart App\n"
    "UC-ET: None\n"
    "UC-DPs:\n"
    "- Collection\n"
    "- Usage\n"
    "- Sharing\n"
    "UC-Steps:\n"
    "1. Open Instacart app on phone\n"
    "2. Click on icon in top left corner\n"
    "3. Select Your Orders to view past orders and receipts\n"
    "4. Add items from previous orders to cart\n"
    "5. View account settings and reset passwords\n"
    "6. View and cancel Instacart+ subscription\n"
    "7. View available promos and discounts\n"
    "8. Click on Your Lists to create or modify personal grocery lists\n"
)


def main():
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "data/sample")
    out.mkdir(parents=True, exist_ok=True)
    corpus, annotations = [], []
    fixtures = {"seed": {}, "refined": {}, "refined_with_examples": {}}
    for s in SCENARIOS:
        words = len(s["text"].split())
        if words < 150:
            raise SystemExit(f"{s['id']}: only {words} words")
        corpus.append({
            "id": s["id"],
            "app_name": s["app_name"],
            "store_url": s["store_url"],
            "platform": s["platform"],
            "category": s["category"],
            "screen_title": s["screen_title"],
            "text": s["text"],
            "author_declared_info_types": s["info_types"],
        })
        spans = canonical_spans(s)
        b, c = variants(s, spans)
        for annotator, sp in (("ann-a", spans), ("ann-b", b), ("ann-c", c)):
            annotations.append({"scenario_id": s["id"], "annotator_id": annotator, "spans": sp})
        for style in fixtures:
            fixtures[style][s["id"]] = response(s, style)
    fixtures["seed"]["food-instacart"] = TABLE_VI

    def dump(path, obj):
        path.write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")

    dump(out / "corpus.json", corpus)
    dump(out / "annotations.json", annotations)
    for style, table in fixtures.items():
        dump(out / f"fixtures_{style}.json", table)


if __name__ == "__main__":
    main()
